import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;
import javax.swing.JButton;
import javax.swing.JTextField;

class ChainController implements ActionListener {
  private JButton save;
  private JTextField name;

  public void actionPerformed(ActionEvent e) {
    if (e.getSource() == save) {
      if (name.isEnabled()) {
        if (!name.getText().isEmpty()) {
          store(name.getText());
        }
      }
    }
  }
}
