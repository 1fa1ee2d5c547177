import org.junit.Test;

import static org.junit.Assert.assertNotNull;

public class ApproachExampleTest {

    private final Connection connection = Connection.open();

    @Test
    public void testGetSSLProtocol() {
        SSLProtocol protocol = connection.getSSLProtocol();
        assertNotNull(protocol);
    }
}
